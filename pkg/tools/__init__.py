"""离线推导夹具数据的脚本"""
